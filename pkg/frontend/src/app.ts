// Session state machine: fetch an item, collect answers, submit, advance.
// Submissions that fail on the network are queued locally and flushed when
// connectivity returns; server conflicts (already recorded) skip forward.
// There is deliberately no back navigation: one judgment per item, final
// once submitted.

import { ApiClient, ApiError } from './api.js'
import { RetryQueue, type KeyValueStorage } from './queue.js'
import { shortcutFor } from './shortcuts.js'
import type { AssessmentRecord, ItemPayload, Protocol } from './types.js'
import { isDone, validateRecord } from './types.js'
import { isComplete, renderDone, renderError, renderItem, type Answers } from './view.js'

export interface AppOptions {
  root: HTMLElement
  api: ApiClient
  sessionId: string
  annotatorId: string
  storage: KeyValueStorage
  now?: () => number
}

export class AnnotationApp {
  private root: HTMLElement
  private api: ApiClient
  private sessionId: string
  private annotatorId: string
  private queue: RetryQueue
  private now: () => number

  private current: ItemPayload | null = null
  private answers: Answers = {}
  private completed = 0
  private notice: string | undefined

  constructor(options: AppOptions) {
    this.root = options.root
    this.api = options.api
    this.sessionId = options.sessionId
    this.annotatorId = options.annotatorId
    this.queue = new RetryQueue(options.storage, options.sessionId, options.annotatorId)
    this.now = options.now ?? (() => Math.floor(Date.now() / 1000))
  }

  async start(): Promise<void> {
    await this.flushQueue()
    await this.loadNext()
  }

  /** Flush queued records; conflicts count as delivered. */
  async flushQueue(): Promise<number> {
    return this.queue.flush(
      (record) => this.api.submitRecord(this.sessionId, record),
      (error) => error instanceof ApiError && error.status === 409,
    )
  }

  async handleOnline(): Promise<void> {
    const delivered = await this.flushQueue()
    if (delivered > 0 && this.queue.pending().length === 0) {
      this.completed += delivered
      this.notice = `reconnected, ${delivered} queued answer(s) delivered`
      await this.loadNext()
    }
  }

  handleKey(key: string): void {
    if (!this.current) return
    const action = shortcutFor(key, this.current.protocol, this.answers)
    if (!action) return
    if (action.kind === 'submit') {
      void this.submit()
    } else if (action.field && action.value) {
      this.answer(action.field, action.value)
    }
  }

  private render(): void {
    if (!this.current) return
    renderItem(this.root, this.current, this.answers, {
      onAnswer: (field, value) => this.answer(field, value),
      onSubmit: () => void this.submit(),
    }, this.notice)
  }

  private answer(field: string, value: string): void {
    this.answers[field] = value
    this.render()
  }

  async loadNext(): Promise<void> {
    try {
      const response = await this.api.nextItem(this.sessionId, this.annotatorId)
      if (isDone(response)) {
        this.current = null
        renderDone(this.root, response.completed)
        return
      }
      this.current = response
      this.answers = {}
      this.render()
      this.notice = undefined
    } catch (error) {
      renderError(this.root, describe(error), () => void this.loadNext())
    }
  }

  buildRecord(): AssessmentRecord {
    if (!this.current) throw new Error('no current item')
    const record: AssessmentRecord = {
      item_id: this.current.item_id,
      annotator_id: this.annotatorId,
      protocol: this.current.protocol as Protocol,
      timestamp: this.now(),
    }
    if (this.current.protocol === 'A1') {
      record.np_ok = this.answers['np_ok'] as AssessmentRecord['np_ok']
      record.plurality_ok = this.answers['plurality_ok'] as AssessmentRecord['plurality_ok']
      record.definiteness_ok = this.answers['definiteness_ok'] as AssessmentRecord['definiteness_ok']
    } else {
      record.plurality_label = this.answers['plurality_label'] as AssessmentRecord['plurality_label']
      record.definiteness_label = this.answers['definiteness_label'] as AssessmentRecord['definiteness_label']
    }
    return record
  }

  async submit(): Promise<void> {
    if (!this.current || !isComplete(this.current.protocol, this.answers)) return
    const record = this.buildRecord()
    const problems = validateRecord(record)
    if (problems.length > 0) {
      renderError(this.root, `invalid record: ${problems.join('; ')}`, () => this.render())
      return
    }
    try {
      await this.api.submitRecord(this.sessionId, record)
      this.completed += 1
      await this.loadNext()
    } catch (error) {
      if (error instanceof ApiError && error.status === 409) {
        // Already recorded server-side; skip forward with a notice.
        this.notice = 'this item was already recorded, skipping forward'
        await this.loadNext()
      } else if (error instanceof ApiError) {
        // Server rejected the record; keep the answers on screen for review.
        renderError(this.root, `submission rejected: ${error.message}`, () => this.render())
      } else {
        // Network failure: keep the answer durably and offer retry.
        this.queue.enqueue(record)
        renderError(
          this.root,
          'network unavailable; your answer is saved locally and will be '
          + 'submitted when the connection returns',
          () => void this.retryQueued(),
        )
      }
    }
  }

  private async retryQueued(): Promise<void> {
    await this.flushQueue()
    if (this.queue.pending().length === 0) {
      this.completed += 1
      await this.loadNext()
    } else {
      renderError(
        this.root,
        'still offline; your answer remains saved locally',
        () => void this.retryQueued(),
      )
    }
  }

  pendingCount(): number {
    return this.queue.pending().length
  }

  completedCount(): number {
    return this.completed
  }
}

function describe(error: unknown): string {
  if (error instanceof ApiError) return error.message
  if (error instanceof Error) return error.message
  return String(error)
}
