// Bootstrap: read connection parameters from the query string and mount the
// app. Example: index.html?api=http://127.0.0.1:8377&session=ab12&annotator=ann1

import { AnnotationApp } from './app.js'
import { ApiClient } from './api.js'

function param(name: string): string | null {
  return new URLSearchParams(window.location.search).get(name)
}

function mount(): void {
  const root = document.getElementById('app')
  if (!root) throw new Error('missing #app element')
  const api = param('api') ?? 'http://127.0.0.1:8377'
  const sessionId = param('session')
  const annotatorId = param('annotator')
  if (!sessionId || !annotatorId) {
    root.textContent = 'Missing ?session= and ?annotator= query parameters.'
    return
  }
  const app = new AnnotationApp({
    root,
    api: new ApiClient(api),
    sessionId,
    annotatorId,
    storage: window.localStorage,
  })
  window.addEventListener('keydown', (event) => {
    const target = event.target as HTMLElement | null
    if (target && (target.tagName === 'INPUT' || target.tagName === 'TEXTAREA')) return
    app.handleKey(event.key)
  })
  window.addEventListener('online', () => void app.handleOnline())
  void app.start()
}

mount()
