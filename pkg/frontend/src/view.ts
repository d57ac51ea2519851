// DOM rendering. One item on screen at a time; the NP span is highlighted
// token-wise and Chinese token boundaries are preserved as spaces (spans are
// token-indexed, so the segmentation must stay visible).

import type { ItemPayload, Protocol } from './types.js'

export type Answers = Record<string, string>

export const A1_FIELDS = ['np_ok', 'plurality_ok', 'definiteness_ok'] as const
export const A2_FIELDS = ['plurality_label', 'definiteness_label'] as const

export function fieldsFor(protocol: Protocol): readonly string[] {
  return protocol === 'A1' ? A1_FIELDS : A2_FIELDS
}

export function isComplete(protocol: Protocol, answers: Answers): boolean {
  return fieldsFor(protocol).every((field) => answers[field] !== undefined)
}

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag)
  if (className) node.className = className
  if (text !== undefined) node.textContent = text
  return node
}

export function renderSentence(payload: ItemPayload): HTMLElement {
  const wrapper = el('div', 'sentence')
  payload.tokens.forEach((token, index) => {
    if (index > 0) wrapper.appendChild(document.createTextNode(' '))
    const inSpan = index >= payload.span.start && index < payload.span.end
    const node = el(inSpan ? 'mark' : 'span', inSpan ? 'np-highlight' : 'token', token)
    node.setAttribute('data-index', String(index))
    wrapper.appendChild(node)
  })
  return wrapper
}

function choiceRow(
  field: string,
  label: string,
  options: [value: string, caption: string][],
  answers: Answers,
  onAnswer: (field: string, value: string) => void,
): HTMLElement {
  const row = el('div', 'question-row')
  row.setAttribute('data-field', field)
  row.appendChild(el('span', 'question-text', label))
  const group = el('span', 'choices')
  for (const [value, caption] of options) {
    const button = el('button', 'choice', caption)
    button.type = 'button'
    button.setAttribute('data-field', field)
    button.setAttribute('data-value', value)
    if (answers[field] === value) button.classList.add('selected')
    button.addEventListener('click', () => onAnswer(field, value))
    group.appendChild(button)
  }
  row.appendChild(group)
  return row
}

export interface ItemViewHandlers {
  onAnswer: (field: string, value: string) => void
  onSubmit: () => void
}

export function renderItem(
  root: HTMLElement,
  payload: ItemPayload,
  answers: Answers,
  handlers: ItemViewHandlers,
  notice?: string,
): void {
  root.textContent = ''
  const view = el('div', `item-view protocol-${payload.protocol.toLowerCase()}`)
  view.setAttribute('data-item', payload.item_id)

  const header = el('div', 'item-header')
  header.appendChild(el('span', 'progress', `${payload.remaining} item(s) left`))
  view.appendChild(header)

  if (notice) view.appendChild(el('div', 'notice', notice))

  if (payload.context) {
    for (const sentence of payload.context.before) {
      view.appendChild(el('div', 'context-sentence', sentence.join(' ')))
    }
  }
  view.appendChild(renderSentence(payload))
  if (payload.context) {
    for (const sentence of payload.context.after) {
      view.appendChild(el('div', 'context-sentence', sentence.join(' ')))
    }
  }

  const controls = el('div', 'controls')
  if (payload.protocol === 'A1') {
    const questions = payload.questions ?? []
    const yesNo: [string, string][] = [
      ['yes', 'yes (y)'], ['no', 'no (n)'], ['none', 'skip (x)'],
    ]
    controls.appendChild(choiceRow('np_ok', questions[0] ?? 'NP correctly identified?',
      yesNo, answers, handlers.onAnswer))
    controls.appendChild(choiceRow('plurality_ok', questions[1] ?? 'Plurality correct?',
      yesNo, answers, handlers.onAnswer))
    controls.appendChild(choiceRow('definiteness_ok', questions[2] ?? 'Definiteness correct?',
      yesNo, answers, handlers.onAnswer))
  } else {
    controls.appendChild(choiceRow('plurality_label', 'Plurality',
      [['singular', 'singular (s)'], ['plural', 'plural (p)'], ['none', 'skip']],
      answers, handlers.onAnswer))
    controls.appendChild(choiceRow('definiteness_label', 'Definiteness',
      [['definite', 'definite (d)'], ['indefinite', 'indefinite (i)'], ['none', 'skip']],
      answers, handlers.onAnswer))
  }
  view.appendChild(controls)

  const submit = el('button', 'submit', 'Submit (Enter)')
  submit.type = 'button'
  submit.disabled = !isComplete(payload.protocol, answers)
  submit.addEventListener('click', handlers.onSubmit)
  view.appendChild(submit)

  root.appendChild(view)
}

export function renderDone(root: HTMLElement, completed: number): void {
  root.textContent = ''
  const view = el('div', 'done-view')
  view.appendChild(el('h2', undefined, 'Session complete'))
  view.appendChild(el('p', 'summary', `${completed} item(s) completed. Thank you!`))
  root.appendChild(view)
}

export function renderError(
  root: HTMLElement,
  message: string,
  onRetry: () => void,
): void {
  root.textContent = ''
  const view = el('div', 'error-view')
  view.appendChild(el('p', 'error-message', message))
  const retry = el('button', 'retry', 'Retry')
  retry.type = 'button'
  retry.addEventListener('click', onRetry)
  view.appendChild(retry)
  root.appendChild(view)
}
